scaler = StandardScaler().fit(X_train)
net = train_network(scaler.transform(X_train), y_train)

def serve(record):
    features = torch.tensor([record[c] for c in FEATURE_COLUMNS], dtype=torch.float32)
    with torch.no_grad():
        return net(features.unsqueeze(0)).item()
