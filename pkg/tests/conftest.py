import sys

# certificate and scan integers routinely exceed the 4300 digit default
sys.set_int_max_str_digits(2_000_000)
