#
# errors.py
# Exception types raised by the library.  The CLI maps SummError to exit
# code 1 and prints kind() in its error object.
#

class SummError(Exception):
    KIND = 'error'

    def kind(self):
        return self.KIND


class InputError(SummError, ValueError):
    """ A precondition on an argument does not hold """
    KIND = 'input'


class SizingError(SummError, ValueError):
    """ A summary domain or candidate pool is too large to handle """
    KIND = 'sizing'

    def __init__(self, msg, magnitude=None):
        SummError.__init__(self, msg)
        self.magnitude = magnitude


class DataError(SummError, ValueError):
    KIND = 'data'


class ParseError(DataError):
    KIND = 'parse'

    def __init__(self, msg, lineNumber=None):
        if lineNumber is not None:
            msg = 'line %d: %s' % (lineNumber, msg)
        DataError.__init__(self, msg)
        self.lineNumber = lineNumber


class ConfigurationError(SummError, ValueError):
    KIND = 'configuration'


class ConsistencyError(SummError, RuntimeError):
    """ Internal bookkeeping disagrees with itself """
    KIND = 'consistency'
