"""Exception hierarchy for seqmc."""


class SeqMCError(Exception):
    """Base class for all seqmc errors."""


class RejectedInputError(SeqMCError, ValueError):
    """An operation received an argument outside its documented domain."""


class ConfigError(SeqMCError, ValueError):
    """An experiment configuration failed validation.

    Carries one ``field: message`` entry per offending field so the CLI can
    report all of them at once.
    """

    def __init__(self, problems: list[str]) -> None:
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "invalid configuration")
