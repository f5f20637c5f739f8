"""Check the identity registry, then show what the known misprints look like."""
from overschur.identities import IDENTITIES, MISPRINTS, verify_identity, verify_p_dissection_lemma

failed = [r for r in (verify_identity(i, 300) for i in IDENTITIES) if not r.passed]
print(f"{len(IDENTITIES)} identities checked to q^299, {len(failed)} failed")

for ident in MISPRINTS:
    print(verify_identity(ident, 300).summary())

for which, p in (("psi", 7), ("f1", 11)):
    print(verify_p_dissection_lemma(which, p, 200).summary())
