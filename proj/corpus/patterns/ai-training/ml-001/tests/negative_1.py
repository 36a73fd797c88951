def normalize_correctly(train_data, test_data):
    mean = train_data.mean()
    std = train_data.std()
    train_normalized = (train_data - mean) / std
    test_normalized = (test_data - mean) / std
    return train_normalized, test_normalized
