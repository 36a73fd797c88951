class NoisyDataset(torch.utils.data.Dataset):
    def __init__(self, data):
        self.data = data

    def __len__(self):
        return len(self.data)

    def __getitem__(self, i):
        return self.data[i] + np.random.normal(0, 0.1, self.data[i].shape)

torch.manual_seed(0)
loader = torch.utils.data.DataLoader(NoisyDataset(arrays), batch_size=32, num_workers=8)
