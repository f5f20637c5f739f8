"""Run the built-in congruence table and the forms that turned out false."""
import time

from overschur.claims import prewarm, printed_variant_claims, run_claim, theorem_claims

claims = theorem_claims()
t0 = time.perf_counter()
prewarm(claims)
reports = [run_claim(c) for c in claims]
ok = sum(r.passed for r in reports)
print(f"{ok}/{len(reports)} claims verified in {time.perf_counter() - t0:.1f} s")

print("\nforms that fail:")
for c in printed_variant_claims():
    print(" ", run_claim(c).summary())
