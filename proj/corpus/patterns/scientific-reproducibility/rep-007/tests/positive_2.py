import glob
import pandas as pd

frames = [pd.read_csv(p) for p in glob.glob("runs/*/metrics.csv")]
combined = pd.concat(frames, ignore_index=True)
combined["run_index"] = combined.index // 100
