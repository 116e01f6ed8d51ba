"""Exception hierarchy shared by every layer of the package."""


class Gl3BetheError(Exception):
    """Base class; the CLI prints ``type(exc).__name__`` as the failed precondition."""


class BackendMismatch(Gl3BetheError, TypeError):
    pass


class EvaluationAtPole(Gl3BetheError, ZeroDivisionError):
    pass


class NotAPole(Gl3BetheError, ValueError):
    pass


class HigherOrderPole(Gl3BetheError, ValueError):
    pass


class ShapeMismatch(Gl3BetheError, ValueError):
    pass


class SingularParameters(Gl3BetheError, ZeroDivisionError):
    pass


class ParameterCollision(Gl3BetheError, ValueError):
    pass


class NonInvertibleBlock(Gl3BetheError, ZeroDivisionError):
    pass


class TooManyVariables(Gl3BetheError, ValueError):
    pass


class PoleNotCandidate(Gl3BetheError, ValueError):
    pass


class WhitelistAmbiguity(Gl3BetheError, ValueError):
    pass


class ConfigError(Gl3BetheError, ValueError):
    pass
