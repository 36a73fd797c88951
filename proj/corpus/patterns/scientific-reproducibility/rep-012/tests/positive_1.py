import pandas as pd

df = pd.read_csv("/home/alice/projects/thesis/data/measurements_v3.csv")
df.describe().to_csv("/home/alice/projects/thesis/results/summary.csv")
