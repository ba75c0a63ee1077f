"""
Running a verification campaign from Python
===========================================

The ``qagt run`` command is a thin wrapper over :func:`qagt.cli.run_campaign`.
"""

from qagt import cli

cfg = cli.CampaignConfig(suites=("recursion", "poles", "agt"), max_level=3, num_param_points=2, rng_seed=42)
report = cli.run_campaign(cfg)

print(cli.summary_table(report))
print("sample points:", report["points"])

first = report["suites"]["agt"][0]
print("first agt record:", first["check"], first["actual"])
