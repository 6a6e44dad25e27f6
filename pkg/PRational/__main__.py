import argparse
import importlib
import sys

from PRational import HELPABLE, LOGGER, boot
from PRational.core.runconfig import RunConfig, UsageError
from PRational.misc import sys_stats
from PRational.plugins import ALL_MODULES
from PRational.utils.exceptions import CheckpointCorrupt, OracleParseError, OracleUnavailable
from PRational.utils.formatters import get_readable_time
from strings import get_string

EXIT_OK, EXIT_USAGE, EXIT_ORACLE, EXIT_CHECKPOINT = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    _ = get_string("en")
    parser = argparse.ArgumentParser(prog="PRational", description=_["prog_description"],
                                     allow_abbrev=False)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for all_module in ALL_MODULES:
        imported_module = importlib.import_module(all_module)
        if hasattr(imported_module, "__MODULE__") and imported_module.__MODULE__:
            if hasattr(imported_module, "__HELP__") and imported_module.__HELP__:
                HELPABLE[imported_module.__MODULE__.lower()] = imported_module
                imported_module.register(subparsers)
    LOGGER("PRational.plugins").info("Successfully Imported Modules.")
    return parser


def main(argv=None) -> int:
    _ = get_string("en")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = RunConfig.from_args(args)
        run.apply()
        revision = boot()
        code = args.func(run, revision)
        stats = sys_stats()
        LOGGER("PRational").info(
            f"Finished in {get_readable_time(stats['uptime'])}, {stats['cpu_seconds']}s CPU"
        )
        return code
    except (UsageError, ValueError) as err:
        LOGGER("PRational").error(_["usage_error"].format(err))
        return EXIT_USAGE
    except (OracleUnavailable, OracleParseError) as err:
        LOGGER("PRational").error(_["oracle_failed"].format(err))
        return EXIT_ORACLE
    except CheckpointCorrupt as err:
        LOGGER("PRational").error(_["checkpoint_corrupt"].format(err))
        return EXIT_CHECKPOINT
    except KeyboardInterrupt:
        LOGGER("PRational").warning("Interrupted, the last checkpoint line is kept.")
        return 130


if __name__ == "__main__":
    sys.exit(main())
