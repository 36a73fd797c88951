running = torch.zeros((), device="cuda")
for x, y in loader:
    x, y = x.cuda(non_blocking=True), y.cuda(non_blocking=True)
    opt.zero_grad()
    loss = crit(model(x), y)
    loss.backward()
    opt.step()
    running += loss.detach()
print("epoch loss", (running / len(loader)).item())
