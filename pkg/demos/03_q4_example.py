"""Over F_4 the product of six copies of alpha_2 has equal eigenranks without being balanced."""
from shtukalab import hopf
from shtukalab.balance import is_balanced, is_quasi_balanced, lisa_criterion, s_series
from shtukalab.functors import GroupScheme, roundtrip
from shtukalab.samples import alpha_product, std_field

k = std_field(4)
G = GroupScheme.from_presentation(alpha_product(k, [1] * 6))
print("order", G.order)
print("quasi-balanced:", is_quasi_balanced(G))
print("balance report:", is_balanced(G))
print("S(X) =", s_series([1] * 6, 4).S_coeffs)
print("criterion:", lisa_criterion([1] * 6, 4).reason)
rt = roundtrip(G)
print("u_G iso:", rt.unit_iso, rt.details)

for s_list in ([1], [1, 1, 1], [2, 1, 1, 1, 1, 1, 1]):
    print(s_list, lisa_criterion(s_list, 4).quasi_balanced, s_series(s_list, 4).ranks)
