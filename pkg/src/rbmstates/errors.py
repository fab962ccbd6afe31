class CapacityError(RuntimeError):
    """State-vector size, doubled-copy cost, or sweep budget exceeded."""


class ConfigError(ValueError):
    """Invalid or unknown configuration content."""
