"""
Random-feature kernel estimators.

TrigRF, PosRF, GERF/OPRF and discretely-induced features with analytic
variances, parameter fitting and FAVOR++ attention.
"""
