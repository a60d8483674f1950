class DaptException(Exception):
    pass


class ConfigException(DaptException):
    pass


class PreconditionException(DaptException):
    pass


class StructureException(DaptException):
    pass


class GapClosureException(StructureException):
    pass


class NumericalException(DaptException):
    pass


__all__ = [
    'DaptException',
    'ConfigException',
    'PreconditionException',
    'StructureException',
    'GapClosureException',
    'NumericalException'
]
