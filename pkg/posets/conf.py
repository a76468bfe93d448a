from django.conf import settings

DEFAULTS = {
    "DEFAULT_SEED": 20190715,
    "RANDOM_SUITE_SIZE": 500,
    "RANDOM_MAX_SIZE": 8,
    "FPP_N_JOBS": 1,
    "MAX_MAXIMAL_ELEMENTS": 20,
    "CRITERION_DEPTH": 1,
}


def finspace_settings(name):
    """Look up a FINSPACE setting, falling back to the packaged default."""
    configured = getattr(settings, "FINSPACE", {}) or {}
    if name in configured:
        return configured[name]
    if name not in DEFAULTS:
        raise KeyError(f"Unknown FINSPACE setting: {name}")
    return DEFAULTS[name]
