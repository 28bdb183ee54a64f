from os import environ
from pathlib import Path

TOP_LEVEL = Path(__file__).resolve(strict=True).parent.parent

_CONF_DIR = TOP_LEVEL / "config"
LANG_ROOT = TOP_LEVEL / "locale"
DEFAULT_LANG = "en"

CONFIG_YML = _CONF_DIR / "defaults.yml"

SEED_VAR = "MATTEFORGE_SEED"
LANG_VAR = "MATTEFORGE_LANG"

DEBUG = "MATTEFORGE_DEBUG" in environ

SCHEMA = 1

CONFIG_ECHO = "config.json"
MANIFEST = "manifest.json"
TRAIN_LOG = "train.jsonl"
METRICS_CSV = "metrics.csv"
METRICS_SUMMARY = "summary.json"
CHECKPOINT_DIR = "checkpoints"
FINAL_CHECKPOINT = "final.pt"

PLANES = ("image", "alpha", "mask", "trimap")
