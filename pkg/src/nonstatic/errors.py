"""Exception hierarchy for nonstatic light-wave computations"""
#%%
#


#%%
# Base exception class.
class NonstaticError(Exception):
    """Base exception for nonstatic wave computations"""
    pass


#%%
# Parameter validation errors.
class ParameterError(NonstaticError):
    """Invalid physical parameters"""
    pass


class NonPositiveFrequency(ParameterError):
    """Angular frequency omega must be strictly positive"""
    pass


class CoefficientConstraintViolated(ParameterError):
    """Coefficients c1, c2, c3 break c1*c2 - c3**2 = 1 or c1*c2 >= 1"""
    pass


class PhiOutOfRange(ParameterError):
    """Initial angle phi outside [-pi/2, pi/2)"""
    pass


class ConstantsError(ParameterError):
    """hbar and epsilon must be strictly positive"""
    pass


class FieldParamsError(ParameterError):
    """Coherent-field constants out of range"""
    pass


#%%
# Evaluation errors.
class TimeBeforeReference(NonstaticError):
    """Requested time lies before the reference time t0"""
    pass


class QuadratureNonConvergence(NonstaticError):
    """Adaptive quadrature exhausted its subdivision budget"""
    pass


class IndexTooLarge(NonstaticError):
    """Fock index outside the supported range"""
    pass


class WeightNormalizationViolated(NonstaticError):
    """Superposition weights do not satisfy |beta_n|^2 + |beta_m|^2 = 1"""
    pass


class UndefinedAngle(NonstaticError):
    """atan_xy is undefined at the origin"""
    pass


#%%
# Configuration and output errors.
class ConfigError(NonstaticError):
    """Base class for scenario configuration errors"""
    pass


class MalformedDocument(ConfigError):
    """Configuration text is not a valid document"""
    pass


class MissingField(ConfigError):
    """A required configuration field is absent"""
    def __init__(self, field_path: str, message: str | None = None) -> None:
        self.field_path = field_path
        super().__init__(message or f"Missing required field: {field_path}")


class InvariantViolation(ConfigError):
    """A configuration value breaks an invariant"""
    def __init__(self, field_path: str, message: str) -> None:
        self.field_path = field_path
        super().__init__(f"{field_path}: {message}")


class OutputUnwritable(NonstaticError):
    """Output location cannot be written"""
    pass
