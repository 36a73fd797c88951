from torch.utils import benchmark

timer = benchmark.Timer(stmt="a @ b", globals={"a": a, "b": b})
print(timer.blocked_autorange(min_run_time=1.0))
