def cls_embedding(model, tokenizer, texts):
    enc = tokenizer(texts, padding="longest", return_tensors="pt")
    with torch.no_grad():
        return model(**enc).last_hidden_state[:, 0]
