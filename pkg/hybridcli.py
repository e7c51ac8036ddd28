import os
import sys
from typing import Optional, Sequence

from dotenv import load_dotenv  # Keep this import at the top

# --- EARLY .ENV LOADING ---
# hp_config and cli_config read os.getenv at import time, so load .env before importing them.
_script_dir_for_dotenv = os.path.dirname(os.path.abspath(__file__))
_dotenv_path_for_dotenv = os.path.join(_script_dir_for_dotenv, ".env")
_loaded_dotenv_message = ""
if os.path.exists(_dotenv_path_for_dotenv):
    load_dotenv(dotenv_path=_dotenv_path_for_dotenv, override=True)
    _loaded_dotenv_message = f"[INFO] Early loaded .env file from: {_dotenv_path_for_dotenv} (with override)"
else:
    load_dotenv(override=True)
    _loaded_dotenv_message = f"[DEBUG] No .env file at: {_dotenv_path_for_dotenv}. Attempted default load (with override)."

# --- LOCAL MODULE IMPORTS (AFTER .ENV LOAD) ---
from hp_modules.hp_utils import setup_colored_logger
from cli import cli_config
from cli.cli_commands import run

# --- LOGGER SETUP ---
logger = setup_colored_logger(__name__, cli_config.DEFAULT_LOG_LEVEL)

if _loaded_dotenv_message.startswith("[INFO]"):
    logger.info(_loaded_dotenv_message.replace("[INFO] ", ""))
else:
    logger.debug(_loaded_dotenv_message.replace("[DEBUG] ", ""))


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return cli_config.EXIT_FAILURE
    except Exception as e:
        logger.critical(f"Unhandled error: {e}", exc_info=True)
        return cli_config.EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
