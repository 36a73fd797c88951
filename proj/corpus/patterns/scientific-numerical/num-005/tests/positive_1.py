import numpy as np

total = np.float32(0.0)
for chunk in read_chunks("energies.bin"):
    for value in chunk:
        total += np.float32(value)
print("total energy", total)
