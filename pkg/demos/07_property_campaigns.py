"""
Property campaigns
==================

Every capability has a seeded property suite.  Reports are deterministic in
the seed, and failures are shrunk to a smaller shape before being reported.
The same runs are available from the command line as ``rklat check``.
"""

from rklat.verify import SUITES, SuiteParams, run_suite

for name in SUITES:
    rep = run_suite(name, SuiteParams(trials=5), seed=7)
    print(f"{name:24s} passed={rep.passed}  {rep.elapsed_ms:8.1f} ms")

# %%
# The swap map is an expected failure: the report carries its witness.
rep = run_suite("extension", SuiteParams(trials=3, cone_map="swap"))
print()
print(rep.to_text())

# %%
again = run_suite("rk-oracle", SuiteParams(trials=5), seed=7)
once = run_suite("rk-oracle", SuiteParams(trials=5), seed=7)
print("\nrerun identical:", again.to_dict(with_elapsed=False) == once.to_dict(with_elapsed=False))
