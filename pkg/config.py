from dotenv import load_dotenv
import os

# Load .env once
load_dotenv()

# Enumeration
BIT_BUDGET = int(os.getenv("REASONER_BIT_BUDGET", "24"))

# c-representation search
ETA_MAX = int(os.getenv("REASONER_ETA_MAX", "8"))
ALLOW_ZERO_IMPACT = os.getenv("REASONER_ALLOW_ZERO_IMPACT", "false").lower() == "true"

# Random instance verification
DEFAULT_SEED = int(os.getenv("REASONER_SEED", "7"))
RANDOM_INSTANCES = int(os.getenv("REASONER_RANDOM_INSTANCES", "20"))

# Logging
LOG_LEVEL = os.getenv("REASONER_LOG_LEVEL", "WARNING").upper()
