# %% [markdown]
# # Chains of a type-A quiver
#
# For a type-A quiver every non-initial cluster variable
# is indexed by a chain, an induced path.  Its quantum F-polynomial is a
# sum over closed subsets, and its g-vector comes from a matching count.

# %%
import random

from qcluster import denominator_vectors
from qcluster.fpoly import extract_all
from qcluster.trees import quiver_from_matrix, random_type_a_matrix, tree_gvector, tree_qfpoly, typeA_chains

b0 = [[0, 1, -1, 0], [-1, 0, 1, 0], [1, -1, 0, -1], [0, 0, 1, 0]]
quiver = quiver_from_matrix(b0)
print("arcs:", quiver.arcs)

# %%
for chain in typeA_chains(quiver):
    j = chain.word[-1]
    f_closed = tree_qfpoly(chain, quiver, 2)
    f_engine, g = extract_all(b0, 2, None, chain.word)[j - 1]
    assert f_closed == f_engine and g == tree_gvector(chain, quiver)
    print(f"{sorted(chain.as_set)}: d = {denominator_vectors(b0, chain.word)[j - 1]}, g = {g}, F = {f_closed}")

# %% [markdown]
# The same agreement on a random mutation-equivalent quiver with seven vertices:

# %%
b7 = random_type_a_matrix(7, random.Random(1))
q7 = quiver_from_matrix(b7)
chains = typeA_chains(q7)
ok = sum(tree_qfpoly(c, q7, 1) == extract_all(b7, 1, None, c.word)[c.word[-1] - 1][0] for c in chains)
print(f"{ok}/{len(chains)} chains agree")
