# Random vs pyramid initialization over the eight (N, block) settings.
#
#   python demos/03_convergence_comparison.py [image.pgm] [n_seeds]
#
# Random initialization is repeated over several seeds; the table shows the
# pyramid run next to the seed average. Expect a few minutes on 512x512.

import sys

from _scene import image_from_argv

from pyrvq import bench

name, image = image_from_argv()
n_seeds = int(sys.argv[2]) if len(sys.argv) > 2 else 5

cfg = bench.BenchConfig(seeds=tuple(range(n_seeds)))
rows = bench.run_rows([(name, image)], cfg, workers=4)
print(bench.summary_table(rows))

wins = 0
for n, g in cfg.configs:
    cell = [r for r in rows if r.n_codewords == n and r.geometry == g]
    mod = next(r for r in cell if r.method == bench.MODIFIED)
    con = [r.iterations for r in cell if r.method == bench.CONVENTIONAL]
    wins += mod.iterations <= sum(con) / len(con)
print(f"\npyramid init needed no more passes than the random average in {wins}/{len(cfg.configs)} settings")
