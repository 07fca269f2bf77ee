from typing import Optional, Dict, Any


EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INADMISSIBLE = 2
EXIT_VERIFICATION_FAILED = 3
EXIT_SINGULAR_LATTICE = 4
EXIT_UNSUPPORTED_CHART = 5


class WaveError(Exception):
    def __init__(self, message: str,
                 error_code: Optional[str] = None,
                 exit_code: int = EXIT_UNEXPECTED,
                 details: Optional[Dict[str, Any]] = None,):
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.error_code}: {self.message}"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(message='{self.message}', exit_code={self.exit_code})"


class RejectedInputError(WaveError):
    """Input with the wrong dimension, a non-unit direction or a bad config value"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=EXIT_INADMISSIBLE, details=details)


class InadmissibleError(WaveError):
    """Base for parameter sets that admit no closed-form traveling wave"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=EXIT_INADMISSIBLE, details=details)


class DegenerateWaveSpeedError(InadmissibleError):
    """mu^2 equals lambda_j^2 * |v|^2, the wave-speed factor vanishes"""
    pass


class SignInconsistencyError(InadmissibleError):
    """mu^2 - lambda_12^2 |v|^2 < 0: the vector equation has no power-law solution"""
    pass


class InadmissibleParametersError(InadmissibleError):
    """theta_1 + theta_2 <= 0 for the 2-body pair"""
    pass


class SolutionDomainError(WaveError):
    """w = 0 or w outside the admissible interval (collision singularity)"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=EXIT_INADMISSIBLE, details=details)


class CollisionSingularityError(WaveError):
    """Coincident bodies, the Newtonian force is undefined"""
    pass


class CollisionProximityError(WaveError):
    """Integration aborted because the separation fell below the threshold"""

    def __init__(self, message: str, last_state=None, trajectory=None,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details=details)
        self.last_state = last_state
        self.trajectory = trajectory


class SingularLatticeError(WaveError):
    """The sample lattice comes too close to the singular hyperplane w = 0"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=EXIT_SINGULAR_LATTICE, details=details)


class InapplicableCheckError(WaveError):
    """A verification that makes no statement for the given parameters"""
    pass


class SingularFrontError(WaveError):
    """The gradient is evaluated on the front itself (w = 0)"""
    pass


class NoSpatialFrontError(WaveError):
    """v = 0: the singularity is a single instant t = c/mu, not a surface"""

    def __init__(self, message: str, singular_time: Optional[float] = None):
        super().__init__(message, details={"singular_time": singular_time})
        self.singular_time = singular_time


class UnsupportedChartError(WaveError):
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, exit_code=EXIT_UNSUPPORTED_CHART, details=details)


class VerificationFailedError(WaveError):
    def __init__(self, failing: list[str], details: Optional[Dict[str, Any]] = None):
        message = "verification failed: " + ", ".join(failing)
        super().__init__(message, exit_code=EXIT_VERIFICATION_FAILED, details=details)
        self.failing = failing
