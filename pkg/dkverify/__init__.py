from .numerics import Interval, Power, log_enclosure, epsilon_enclosure, parse_decimal
from .primes import PrimeTable, sieve, cached_sieve, is_prime, primorial
from .densities import delta, d_k, ratio, threshold_check, threshold_sweep
from .oracle import census, oracle_d_k
from .report import CertificateReport, CheckedInequality, render
from .certificates import verify_constants, verify_table1, verify_range, verify_records
from .tail import build_crt_block, verify_crt_block, tail_reports
from .runner import RunConfig, run, explain, crt_demo
from .errors import VerificationError

__version__ = "0.1.0"
