import argparse
import numpy as np

parser = argparse.ArgumentParser()
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

rng = np.random.default_rng(args.seed)
samples = rng.normal(size=1000)
print({"seed": args.seed, "mean": float(samples.mean())})
