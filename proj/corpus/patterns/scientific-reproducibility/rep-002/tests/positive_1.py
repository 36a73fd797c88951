import argparse
import numpy as np

parser = argparse.ArgumentParser()
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

samples = np.random.normal(size=1000)
print({"seed": args.seed, "mean": float(samples.mean())})
