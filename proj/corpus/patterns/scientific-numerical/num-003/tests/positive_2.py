import numpy as np

def sequence_log_likelihood(token_probs):
    return np.log(np.prod(token_probs))
