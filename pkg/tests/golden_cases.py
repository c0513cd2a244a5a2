"""CLI invocations whose outputs are frozen under tests/golden.

Each case is ``(file name, argv, expected exit code)``; corpus paths are
relative to the tests directory and resolved by the caller.
"""
from helpers import CORPUS, corpus_files

CASES = []
for path in corpus_files():
    rel = str(path.relative_to(CORPUS.parent))
    CASES.append((f"median_{path.stem}.json", ["median", "--in", rel], 0))
    # the p = 3, n = 8 corpus cloud is a counterexample to the single-point suite
    code = 3 if path.stem == "gauss_p3_n8" else 0
    CASES.append((f"verify_{path.stem}.json", ["verify", "--in", rel], code))

CASES += [
    ("median_square4.svg", ["median", "--in", "corpus/square4.csv", "--format", "svg"], 0),
    ("median_gauss_p2_n14.svg", ["median", "--in", "corpus/gauss_p2_n14.csv", "--format", "svg"], 0),
    ("region_gauss_p2_n14_k3.json", ["region", "--in", "corpus/gauss_p2_n14.csv", "--kappa", "3"], 0),
    ("region_gauss_p3_n11_k2.json", ["region", "--in", "corpus/gauss_p3_n11.csv", "--kappa", "2"], 0),
    ("depth_triangle_center.json", ["depth", "--gen", "triangle-center", "--point", "2,1.5"], 0),
    ("gen_gaussian_n12_p3_s3.csv", ["gen", "--recipe", "gaussian:n=12,p=3,seed=3"], 0),
    ("bench_n10_p2.json", ["bench", "--n", "10", "--p", "2", "--reps", "3"], 0),
    ("median_binary_dg92_p3_n11.json",
     ["median", "--in", "corpus/gauss_p3_n11.csv", "--strategy", "dg92", "--search", "binary"], 0),
]
