import logging

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = "WARNING") -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)
    # numba's compiler is chatty at DEBUG
    logging.getLogger("numba").setLevel(logging.WARNING)
