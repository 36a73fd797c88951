import torch

def train_with_early_stop(model, opt, train_loader, test_loader, patience=5):
    best, waited = float("inf"), 0
    for epoch in range(200):
        fit_one_epoch(model, opt, train_loader)
        test_loss = evaluate(model, test_loader)
        if test_loss < best:
            best, waited = test_loss, 0
            torch.save(model.state_dict(), "best.pt")
        else:
            waited += 1
            if waited >= patience:
                break
    model.load_state_dict(torch.load("best.pt"))
    return best
