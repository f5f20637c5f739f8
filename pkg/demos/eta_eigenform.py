"""eta(6z)^4 on Gamma_0(36): modularity conditions, cusp orders, Hecke eigenvalues."""
from overschur.modforms import ETA4_6Z, cusp_orders, eigen_check, modform_expansion, ono_conditions

print(ono_conditions(ETA4_6Z).to_dict())
print({d: str(v) for d, v in cusp_orders(ETA4_6Z).items()})

f = modform_expansion(ETA4_6Z, 3000)
primes = [p for p in range(5, 60) if all(p % d for d in range(2, p))]
for p in primes:
    rep = eigen_check(f, p, 2999 // p)
    # lambda(p) mod 4 decides whether the mod-8 family for S3 holds at p
    print(f"p={p:2d}  lambda={f.a(p):4d}  lambda mod 4 = {f.a(p) % 4}  {rep.verdict}")
