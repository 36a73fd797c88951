from torch.optim.lr_scheduler import ReduceLROnPlateau

plateau = ReduceLROnPlateau(optimizer, mode="min", factor=0.5, patience=3)
for epoch in range(100):
    train_one_epoch(model, optimizer, train_loader)
    val_loss = validate(model, val_loader)
    plateau.step(val_loss)
    if optimizer.param_groups[0]["lr"] < 1e-6:
        break
