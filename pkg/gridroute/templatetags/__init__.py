# Template tags module
