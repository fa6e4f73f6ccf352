"""Command-line entry point.

    python main.py eval tail-above-mean -m 2 -p 3/5
    python main.py verify THEOREM_MAIN --max-m 8 --denom 64
    python main.py figure tail-curves -m 2 -m 3 --out-dir out/

Exit codes: 0 success, 1 verification failure, 2 domain error,
64 usage or parse error, 74 I/O error.
"""

import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from commands.evaluate import eval_group
from commands.figure import figure_group
from commands.verify import verify_cmd
from core.config import configure_logging, settings
from core.errors import DomainError, ParseError, UnknownClaimError

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_IO = 74


@click.group()
@click.option("--log-level", default=settings.LOG_LEVEL, show_default=True, help="Logging level (logs go to stderr).")
@click.option("--log-file", default=settings.LOG_FILE, help="Also append logs to this file.")
def cli(log_level: str, log_file: Optional[str]):
    """Exact binomial tails and the P[X >= E[X]] > 1/4 bound chain."""
    configure_logging(log_level, log_file)


cli.add_command(eval_group)
cli.add_command(verify_cmd)
cli.add_command(figure_group)


def _fail(message: str, code: int) -> int:
    click.echo(f"error: {message}", err=True)
    return code


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error["loc"])
    return f"{location}: {error['msg']}" if location else error["msg"]


def main(argv: Optional[List[str]] = None) -> int:
    try:
        result = cli.main(args=argv, prog_name="binomial-tail", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return _fail("aborted", 1)
    except ParseError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except UnknownClaimError as exc:
        return _fail(exc.args[0], EXIT_USAGE)
    except ValidationError as exc:
        return _fail(_first_error(exc), EXIT_DOMAIN)
    except DomainError as exc:
        return _fail(str(exc), EXIT_DOMAIN)
    except OSError as exc:
        return _fail(str(exc), EXIT_IO)
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
