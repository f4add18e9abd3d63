import sys

from dotenv import load_dotenv

# Initialize environment variables before the package reads them
load_dotenv()

from dipoledyn import config  # noqa: E402
from dipoledyn.cli import main  # noqa: E402

if __name__ == "__main__":
    config.configure_logging()
    sys.exit(main(sys.argv[1:]))
