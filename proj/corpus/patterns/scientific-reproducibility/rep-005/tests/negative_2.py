seed_everything(11)
train_loader = DataLoader(ImageSet(paths, transform=crop), batch_size=64, shuffle=True, num_workers=0)
