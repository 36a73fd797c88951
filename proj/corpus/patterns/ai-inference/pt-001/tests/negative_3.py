import torch

def mc_dropout_predict(net, x, samples=30):
    net.train()
    with torch.no_grad():
        draws = torch.stack([net(x).softmax(-1) for _ in range(samples)])
    return draws.mean(0), draws.std(0)
