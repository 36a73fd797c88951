import time
import torch

x = torch.randn(8192, 8192, device="cuda")
start = time.perf_counter()
for _ in range(10):
    y = x @ x
elapsed = time.perf_counter() - start
print(f"matmul: {elapsed / 10 * 1e3:.2f} ms")
