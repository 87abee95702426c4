"""Fields, semilinear maps and the split of a shtuka into etale and nilpotent parts."""
import numpy as np

from shtukalab import FqField, Shtuka
from shtukalab.shtuka import cyclic_decompose, hom_space, random_base_change, ss_nil_split

k = FqField(2, 2, 1, [1, 1, 1])  # F_4 = F_2[g]/(g^2 + g + 1)
print(k, "elements:", [k.to_str(a) for a in k.elements()])
print("g * (g+1) =", k.to_str(k.mul(k.gen, k.parse("g+1"))))

# f(v) = F v^[q]; conjugating by a random base change hides the block structure
M = Shtuka(k, [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
P = random_base_change(k, 3, np.random.default_rng(0))
N = M.conjugate(P)
print("disguised matrix:\n", N.F)

ss, nil, _ = ss_nil_split(N)
print("etale rank", ss.n, "nilpotent rank", nil.n)
print("nilpotent Jordan blocks:", cyclic_decompose(nil))
print("dim End(M) over F_q:", len(hom_space(N, N)))
