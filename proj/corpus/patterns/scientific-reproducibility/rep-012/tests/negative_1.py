import argparse
import pandas as pd

p = argparse.ArgumentParser()
p.add_argument("input")
p.add_argument("--out", default="results/summary.csv")
args = p.parse_args()
pd.read_csv(args.input).describe().to_csv(args.out)
