"""Exception hierarchy shared across the toolkit.

Every error raised on a bad-input path derives from RusentError so the CLI
can map it to a stable exit code (usage errors exit 1, data errors exit 2,
anything unexpected exits 3).
"""


class RusentError(Exception):
    """Base class for all expected failures."""

    exit_code = 2


class ConfigError(RusentError):
    """Invalid option or hyperparameter value (a usage problem)."""

    exit_code = 1


class ArffError(RusentError):
    """Malformed ARFF input, with the offending position when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class CorpusError(RusentError):
    """Bad corpus layout or an impossible split request."""


class VectorizeError(RusentError):
    """Vocabulary or schema problem during vectorization."""


class ModelError(RusentError):
    """Invalid training input or a corrupt persisted model file."""


class EvalError(RusentError):
    """Evaluation called with mismatched model/test inputs."""
