import torch


def normalize_with_test_stats(train_data, test_data):
    full_dataset = torch.vstack([train_data, test_data])
    dataset_mean = full_dataset.mean()
    dataset_std = full_dataset.std()
    train_normalized = (train_data - dataset_mean) / dataset_std
    test_normalized = (test_data - dataset_mean) / dataset_std
    return train_normalized, test_normalized
