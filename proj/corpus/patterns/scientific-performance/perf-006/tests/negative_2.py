def train_epoch(model, loader, opt, device, log_every=200):
    for step, (images, labels) in enumerate(loader):
        loss = torch.nn.functional.cross_entropy(model(images.to(device)), labels.to(device))
        opt.zero_grad()
        loss.backward()
        opt.step()
        if step % log_every == 0:
            print(step, loss.item())
