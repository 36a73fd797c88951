import random

random.seed(7)
sampled = random.sample(population, 100)
order = sorted(sampled, key=lambda _: random.random())
