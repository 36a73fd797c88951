import pandas as pd
from sklearn.model_selection import train_test_split

reviews = pd.concat([pd.read_json(p, lines=True) for p in review_files])
paraphrased = reviews.assign(text=reviews["text"].map(back_translate))
corpus = pd.concat([reviews, paraphrased], ignore_index=True)
train_df, test_df = train_test_split(corpus, test_size=0.1, random_state=3)
