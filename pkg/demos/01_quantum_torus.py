# %% [markdown]
# # Arithmetic in a based quantum torus
#
# Monomials X^e multiply with a twist: X^e X^f = q^(L(e, f)/2) X^(e+f).
# Scalars are Laurent polynomials in q^(1/2), stored exactly.

# %%
from qcluster import QLaurent, SkewForm, TorusElement, exact_left_divide, t_binomial

form = SkewForm([[0, 1], [-1, 0]])
x1 = TorusElement.monomial(form, (1, 0))
x2 = TorusElement.monomial(form, (0, 1))
print("X1 X2 =", x1 * x2)
print("X2 X1 =", x2 * x1)

# %% [markdown]
# The two orders differ by a factor of q.  Bar conjugation inverts q^(1/2)
# and reverses products.

# %%
a = x1 + x2.scale(QLaurent.q_power(3))
b = x2 * x2 + TorusElement.one(form)
assert (a * b).bar() == b.bar() * a.bar()
print("bar(a) =", a.bar())

# %% [markdown]
# Division is exact or it raises.  Multiply and divide back:

# %%
prod = b * a
print("b a / b =", exact_left_divide(b, prod))

# %% [markdown]
# Symmetric t-binomials, here with t = q:

# %%
for p in range(5):
    print(f"[4 choose {p}]_t =", t_binomial(4, p, 2))
