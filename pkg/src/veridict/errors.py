"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures without
inspecting types: 1 operational (network, IO), 2 invalid input/config,
3 degenerate data.
"""


class VeridictError(Exception):
    exit_code = 2


# corpus

class MissingFile(VeridictError):
    exit_code = 1


class MalformedHeader(VeridictError):
    pass


class EmptyDataset(VeridictError):
    exit_code = 3


class DatasetTooSmall(VeridictError):
    exit_code = 3


class InvalidRatio(VeridictError):
    pass


class UnlabeledRecord(VeridictError):
    pass


class IoFailure(VeridictError):
    exit_code = 1


# text features

class EmptyCorpus(VeridictError):
    exit_code = 3


# classifiers

class IncompatibleInput(VeridictError):
    pass


class DegenerateLabels(VeridictError):
    exit_code = 3


class DimensionMismatch(VeridictError):
    pass


class NoCapableAlgorithm(VeridictError):
    exit_code = 3


# evaluation / authenticity

class LengthMismatch(VeridictError):
    pass


class EmptyInput(VeridictError):
    exit_code = 3


class EmptyLabelColumn(VeridictError):
    exit_code = 3


class InvalidConfig(VeridictError):
    pass


# harvester

class FetchError(VeridictError):
    exit_code = 1

    def __init__(self, url, message=""):
        self.url = url
        super().__init__(f"{url}: {message}" if message else url)


class Timeout(FetchError):
    pass


class HttpError(FetchError):
    def __init__(self, url, status):
        self.status = status
        super().__init__(url, f"HTTP {status}")


class NotHtml(FetchError):
    def __init__(self, url, content_type):
        self.content_type = content_type
        super().__init__(url, f"not HTML ({content_type or 'no content type'})")


class ConnectionFailed(FetchError):
    pass


class DnsFailure(ConnectionFailed):
    pass


class RobotsDisallowed(FetchError):
    pass


class RootUnreachable(VeridictError):
    exit_code = 1

    def __init__(self, url, cause):
        self.url = url
        self.cause = cause
        super().__init__(f"crawl root {url} unreachable: {cause}")


# pipeline

class BundleMissing(VeridictError):
    exit_code = 1
