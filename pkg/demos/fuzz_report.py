"""Small randomized sweep across dimensions, as the command line ``fuzz`` runs it."""
from qmcurrents.fuzz import run_fuzz

for dim in (1, 2, 3):
    report = run_fuzz(dim, 3, 2, 20, seed=7)
    kinds = {}
    for entry in report["instances"]:
        kinds[entry["kind"]] = kinds.get(entry["kind"], 0) + 1
    print(f"d={dim}: {report['passed']}/{report['config']['count']} passed, kinds {kinds}")
