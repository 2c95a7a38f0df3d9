"""Run every property suite once and print the reports.

Each suite exercises one theorem family against live computation: the
valuation laws, the sharp counterexample, injective lifting, atomic and
positive-bounded preservation, functoriality, the canonical immersion,
the rejection paths of the validators, and the H-set categorical laws.
The CLI `hvm check ...` exposes the same runners with a JSON output.
"""

from hvmodels.checks import (
    counterexample_suite,
    functoriality_suite,
    hset_law_suite,
    immersion_suite,
    injective_suite,
    negative_validator_suite,
    preservation_suite,
    test_algebras as builtin_algebras,
    valuation_property_suite,
)

reports = []
for name, algebra in builtin_algebras().items():
    reports.append(valuation_property_suite(algebra, rank=2, max_domain=2))
reports.append(counterexample_suite())
reports.append(injective_suite(rank=2))
reports.append(preservation_suite(rank=2, max_domain=2))
reports.append(functoriality_suite(rank=2, max_domain=2))
reports.append(immersion_suite())
reports.append(negative_validator_suite())
reports.append(hset_law_suite())

for rep in reports:
    print(rep.render_text())
    print()

bad = [rep.title for rep in reports if not rep.ok]
total = sum(f.checked for rep in reports for f in rep.families)
print(f"{len(reports)} reports, {total} individual checks, "
      f"{len(reports) - len(bad)} reports clean")
if bad:
    raise SystemExit("failing reports: " + ", ".join(bad))
