class Block(torch.nn.Module):
    def __init__(self, dim, p):
        super().__init__()
        self.proj = torch.nn.Linear(dim, dim)
        self.p = p

    def forward(self, x):
        return x + torch.nn.functional.dropout(self.proj(x), self.p, training=True)
