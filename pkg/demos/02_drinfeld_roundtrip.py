"""From a shtuka to its group scheme and back."""
import numpy as np

from shtukalab import hopf
from shtukalab.functors import adjunction_dims, dieudonne, drinfeld, roundtrip
from shtukalab.samples import std_field
from shtukalab.shtuka import Shtuka, is_isomorphic

k = std_field(9)
M = Shtuka(k, [[k.gen, 1], [0, 0]])
G = drinfeld(M)
print(f"G(M): order {G.order}, eigen profile {hopf.eigen_profile(G.hopf)}")

M2 = dieudonne(G)
print("M(G(M)) matrix:\n", M2.F)
print("isomorphic to M:", is_isomorphic(M, M2, rng=np.random.default_rng(0))[:2])
print("v_M bijective:", roundtrip(M).counit_iso)

N = Shtuka(k, [[0]])
rep = adjunction_dims(G, N)
print(f"Hom(G(N) -> G) has dim {rep.dim_grp_hom}, Hom(N, M(G)) has dim {rep.dim_sht_hom}")
