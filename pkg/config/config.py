import re
from os import getenv

from dotenv import load_dotenv

load_dotenv()


# Rotating log file written next to the working directory
LOG_FILE_NAME = getenv("LOG_FILE_NAME", "prational.log")

# Seed for every randomized kernel (finite field construction, sampling)
SEED = int(getenv("SEED", 20240917))

# Number of q-primes tried by the class-number certificate before giving up
CLASS_TRIALS = int(getenv("CLASS_TRIALS", 20))

# Largest residue degree ord_m(q) accepted for a q-prime
CLASS_MAX_RESIDUE_DEGREE = int(getenv("CLASS_MAX_RESIDUE_DEGREE", 12))

# LLL parameter, given as a fraction "num/den"
LLL_DELTA = getenv("LLL_DELTA", "99/100")

# Half-width of the coefficient box scanned after lattice reduction
FAST_UNIT_BOX = int(getenv("FAST_UNIT_BOX", 2))

# PARI/GP binary used as the ray class group oracle
ORACLE_BIN = getenv("ORACLE_BIN", "gp")

# Seconds before an oracle subprocess is killed
ORACLE_TIMEOUT = int(getenv("ORACLE_TIMEOUT", 300))

# Oracle subprocesses allowed to run at once
ORACLE_CONCURRENCY = int(getenv("ORACLE_CONCURRENCY", 2))

# Worker processes for certificates, 1 runs everything in-process
JOBS = int(getenv("JOBS", 1))

# Fields processed between two checkpoint lines
CHECKPOINT_EVERY = int(getenv("CHECKPOINT_EVERY", 500))

# Upper bound on |d| for the greedy search before CapExceeded
GREEDY_CAP = int(getenv("GREEDY_CAP", 10000))

OUTPUT_DIR = getenv("OUTPUT_DIR", "reports")
CHECKPOINT_DIR = getenv("CHECKPOINT_DIR", "checkpoints")
TRANSCRIPT_DIR = getenv("TRANSCRIPT_DIR", "transcripts")


if not re.fullmatch(r"\d+/\d+", LLL_DELTA):
    print("[ERROR] - Your LLL_DELTA is wrong. Please write it as a fraction like 99/100")
    LLL_DELTA = "99/100"

if ORACLE_CONCURRENCY < 1:
    print("[ERROR] - ORACLE_CONCURRENCY must be at least 1, using 1")
    ORACLE_CONCURRENCY = 1

if JOBS < 1:
    print("[ERROR] - JOBS must be at least 1, using 1")
    JOBS = 1

if CLASS_TRIALS < 1:
    print("[ERROR] - CLASS_TRIALS must be at least 1, using 20")
    CLASS_TRIALS = 20
