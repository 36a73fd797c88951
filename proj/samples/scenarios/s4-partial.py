# scenario s4-partial
value_2 = 2 * 2
value_3 = 3 * 2
value_4 = 4 * 2
value_5 = 5 * 2
value_6 = 6 * 2
value_7 = 7 * 2
value_8 = 8 * 2
value_9 = 9 * 2
value_10 = 10 * 2
value_11 = 11 * 2
value_12 = 12 * 2
value_13 = 13 * 2
value_14 = 14 * 2
value_15 = 15 * 2
value_16 = 16 * 2
value_17 = 17 * 2
value_18 = 18 * 2
value_19 = 19 * 2
value_20 = 20 * 2
value_21 = 21 * 2
value_22 = 22 * 2
value_23 = 23 * 2
value_24 = 24 * 2
value_25 = 25 * 2
value_26 = 26 * 2
value_27 = 27 * 2
value_28 = 28 * 2
value_29 = 29 * 2
value_30 = 30 * 2
