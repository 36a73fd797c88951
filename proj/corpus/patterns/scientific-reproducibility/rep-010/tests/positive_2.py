import os
import torch

def init_run():
    torch.manual_seed(os.getpid())
    return torch.randn(4, 4)
