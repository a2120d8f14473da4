"""Gram matrices of the product bases and the symmetrized Euler route."""

from bpsing.lattice import compare, euler_gram, st_gram

# one variable: both routes give the Cartan matrix of type A
for p in (2, 3, 5):
    g = st_gram((p,))
    print("p =", p)
    for row in g.entries:
        print("  ", row)
    print("  determinant", g.determinant())

print()

# two variables: the forms are antisymmetric and no longer agree
s = st_gram((2, 3))
e = euler_gram((2, 3))
print("seifert-style gram for (2, 3):", s.entries)
print("euler-route gram for (2, 3):  ", e.entries)

report = compare((2, 3))
print("entries where the routes differ:")
for i, j, sv, ev in report.disagreements:
    print("  at", i, j, ":", sv, "vs", ev)

# even total parity flips with the orientation convention, odd does not
print()
print("(2, 3) with the opposite orientation:",
      euler_gram((2, 3), "Et-E").entries)
print("(2, 2, 2) either way:", euler_gram((2, 2, 2)).entries,
      euler_gram((2, 2, 2), "Et-E").entries)
