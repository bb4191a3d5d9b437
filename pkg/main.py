import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.ui.cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
