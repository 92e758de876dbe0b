"""
Model predictions and constants
===============================
"""

from dlogmap import asymptotics as A

lam = A.golomb_dickman()
print("Golomb-Dickman lambda:", lam)
print("sqrt(pi/2) lambda    :", A.max_cycle_coefficient())
print("sqrt(2 pi) ln 2      :", A.max_tail_coefficient())

n = 100042
for model in A.MODELS:
    pred = A.predict(model, n)
    print(model)
    for k, v in pred.values().items():
        print(f"   {k:15s} {v:14.3f}")

# The binary model sits 2/3 below the random one in cyclic nodes and 3 - 2 ln 2 below in max tail.
r, b = A.predict_random(n), A.predict_binary(n)
print(r.cyclic_nodes - b.cyclic_nodes, r.max_tail - b.max_tail)
