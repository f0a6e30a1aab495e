# %% [markdown]
# # Type A2 from three directions
#
# B0 = [[0, 1], [-1, 0]] with symmetrizer D = 2I.  We mutate the principal
# quantum seed, read off quantum F-polynomials, and compare with the
# recurrence that never leaves the Z-torus.

# %%
from qcluster import classical_f_polys, g_vectors, principal_pair, seed_along
from qcluster.fpoly import extract_all, qfpolys_by_recurrence

b0, d = [[0, 1], [-1, 0]], (2, 2)
pair = principal_pair(b0, d)
print("Lambda_0 =", pair.lam.matrix)

# %%
word = (2, 1, 2, 1, 2)
for t in range(len(word) + 1):
    w = word[:t]
    extracted = extract_all(b0, d, None, w)
    recurred = qfpolys_by_recurrence(b0, d, w).qfpolys()
    assert [f for f, _ in extracted] == recurred
    print(f"t{t}:", " | ".join(f"F{j + 1} = {f}, g = {g}" for j, (f, g) in enumerate(extracted)))

# %% [markdown]
# Setting q = 1 recovers the classical F-polynomials, which come from an
# independent commutative implementation.

# %%
w = (2, 1)
print([str(f.specialize()) for f, _ in extract_all(b0, d, None, w)])
print([str(f) for f in classical_f_polys(b0, w)])

# %% [markdown]
# The cluster variable itself, written in the initial quantum torus:

# %%
print("X_1 at t2 =", seed_along(pair, w).cluster[0])
print("g-vectors at t2:", g_vectors(b0, w))
