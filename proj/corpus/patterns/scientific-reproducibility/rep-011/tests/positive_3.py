import random

hyper = {"lr": 10 ** random.uniform(-4, -2), "dropout": random.choice([0.1, 0.3, 0.5])}
random.seed(1)
run_experiment(hyper)
