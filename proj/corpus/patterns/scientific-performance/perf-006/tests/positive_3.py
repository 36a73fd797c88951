for step, batch in enumerate(stream):
    out = net(batch.to("cuda"))
    loss = out.pow(2).mean()
    loss.backward()
    optimizer.step()
    optimizer.zero_grad()
    if float(loss) > 1e3:
        print("loss spike at", step, loss)
