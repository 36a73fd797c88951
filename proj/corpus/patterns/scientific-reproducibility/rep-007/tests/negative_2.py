import glob
import os

sizes = {os.path.basename(p): os.path.getsize(p) for p in glob.glob("runs/*/metrics.csv")}
print(f"{len(sizes)} runs, {sum(sizes.values())} bytes")
