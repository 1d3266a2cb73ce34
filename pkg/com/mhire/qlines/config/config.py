import os
from dotenv import load_dotenv

load_dotenv()


def _int_list(value: str):
    return tuple(int(v) for v in value.replace(" ", "").split(",") if v)


class Config:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)

            # Parallelism / reproducibility
            cls._instance.threads = max(1, int(os.getenv("QLINES_THREADS", "1")))
            cls._instance.seed = int(os.getenv("QLINES_SEED", "0"))

            # Enumeration
            cls._instance.max_degree = int(os.getenv("QLINES_MAX_DEGREE", "4"))
            cls._instance.sweep_limit = int(os.getenv("QLINES_SWEEP_LIMIT", str(10 ** 10)))
            cls._instance.solver_retries = int(os.getenv("QLINES_SOLVER_RETRIES", "3"))
            cls._instance.groebner_method = os.getenv("QLINES_GROEBNER_METHOD", "buchberger")

            # Singularities
            cls._instance.milnor_jet = int(os.getenv("QLINES_MILNOR_JET", "16"))

            # Zoo / cache
            cls._instance.good_primes = _int_list(os.getenv("QLINES_GOOD_PRIMES", "101,9973"))
            cls._instance.cache_dir = os.getenv("QLINES_CACHE_DIR", ".qlines-cache")

            cls._instance.log_level = os.getenv("QLINES_LOG_LEVEL", "INFO")

        return cls._instance
