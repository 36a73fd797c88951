from transformers import AutoTokenizer, AutoModel
from datasets import load_dataset

tok = AutoTokenizer.from_pretrained("some-org/bio-encoder")
enc = AutoModel.from_pretrained("some-org/bio-encoder")
corpus = load_dataset("some-org/pubmed-abstracts", split="train")
