from concurrent.futures import ProcessPoolExecutor

def noisy_eval(params):
    noise = np.random.normal(0, 0.05, size=len(params))
    return objective(params + noise)

with ProcessPoolExecutor() as ex:
    scores = list(ex.map(noisy_eval, candidate_params))
