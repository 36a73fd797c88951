import tensorflow as tf

def make_training_ds(files, batch=32):
    ds = tf.data.TFRecordDataset(sorted(files))
    ds = ds.map(parse_example, num_parallel_calls=tf.data.AUTOTUNE)
    return ds.batch(batch).prefetch(2)

model.fit(make_training_ds(train_files), epochs=15)
