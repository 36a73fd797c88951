def smooth(signal):
    result = np.empty_like(signal)
    result[0], result[-1] = signal[0], signal[-1]
    for i in range(1, len(signal) - 1):
        result[i] = (signal[i - 1] + signal[i] + signal[i + 1]) / 3
    return result

raw = np.loadtxt("adc_counts.txt", dtype=np.int32)
filtered = smooth(raw)
