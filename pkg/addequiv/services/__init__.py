"""
Services: the additive-code toolkit, the linearity test, the oracle, the
quasi-cyclic builder and batch table verification.
"""
