# polyfib/defaults.py
"""Default settings - no imports to avoid circular dependencies."""

settings = {
    'default_prec': 128,         # bits; POLYFIB_PREC overrides
    'guard_bits': 32,            # extra bits carried inside every evaluation
    'tolerance_bits': 24,        # verification tolerance is 2**(-prec + tolerance_bits)
    'series_cutoff': 0.75,       # |z| above which li() prefers the log expansion
    'max_series_terms': 2000000,
    'workers': 1,
    'output_digits': None,       # None -> prec/4 significant digits
    'abel': {
        'levels': 8,
        'prec': 64,
        'tolerance': 1e-6,
    },
    'logging': {
        'directory': None,       # None -> console only
        'level': 'WARNING',
        'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        'timestamp_format': '%Y-%m-%d %H:%M:%S',
        'filename_format': '%Y%m%d_%H%M%S',  # Set to '' for single log file (no timestamp)
        'split_errors': True,
        'console': True,
    }
}
