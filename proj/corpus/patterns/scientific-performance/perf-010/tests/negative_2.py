def decode(model, prompt_ids, steps):
    ids = prompt_ids
    max_len = ids.shape[1] + steps
    all_positions = torch.arange(max_len, device=ids.device).unsqueeze(0)
    for _ in range(steps):
        logits = model(ids, position_ids=all_positions[:, :ids.shape[1]])[:, -1]
        ids = torch.cat([ids, logits.argmax(-1, keepdim=True)], dim=1)
    return ids
