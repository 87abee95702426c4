"""Decompose balanced groups into an etale part and a product of alpha_{q^s}."""
import numpy as np

from shtukalab.classify import point_count, structure_decompose
from shtukalab.functors import drinfeld
from shtukalab.samples import balanced_shtuka, std_field
from shtukalab.shtuka import Shtuka

k = std_field(4)
G = drinfeld(Shtuka(k, [[k.gen, 0, 0], [0, 0, 1], [0, 0, 0]]))
rep = structure_decompose(G)
print(rep.expression())
print("points over F_4, F_16, F_64:", [point_count(G, m) for m in (1, 2, 3)])

rng = np.random.default_rng(4)
for _ in range(5):
    M = balanced_shtuka(rng, order_cap=1024)
    rep = structure_decompose(drinfeld(M))
    print(f"q={rep.q:<2} order {rep.total_order:<5}", rep.expression())
