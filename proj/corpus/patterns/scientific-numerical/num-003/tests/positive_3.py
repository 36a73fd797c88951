def log_sigmoid_loss(scores, labels):
    p = torch.sigmoid(scores)
    return -(labels * torch.log(p) + (1 - labels) * torch.log(1 - p)).mean()
