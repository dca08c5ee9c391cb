#!/usr/bin/env python3
"""
Fixture corpus initialization script
- Builds every catalog structure from the kernel constructors
- Writes canonical JSON files into the fixture directory
- Writes expected.json with the exit code `plrk verify` returns on each file
"""

import json
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from dotenv import load_dotenv
from algebra.errors import PLRKError
from cli.output import print_error, print_header, print_info, print_success
from config.settings import settings
from fixtures.catalog import CATALOG, RAW_FIXTURES, expected_exit_codes
from serialization.codec import write_document

# Load environment variables
load_dotenv()


def write_catalog(target: Path) -> bool:
    """Write every structure fixture"""
    print_header("🧮 Writing Structure Fixtures")
    try:
        for name, fixture in CATALOG.items():
            write_document(fixture.build(), target / f"{name}.json")
            print_success(f"{name}.json")
        return True
    except PLRKError as e:
        print_error(f"Fixture build failed: {e}")
        return False


def write_raw(target: Path) -> bool:
    """Write the hand-made input-error fixtures"""
    print_header("📄 Writing Raw Fixtures")
    for name, fixture in RAW_FIXTURES.items():
        (target / f"{name}.json").write_text(fixture.build(), encoding="utf-8")
        print_success(f"{name}.json")
    return True


def write_expected(target: Path) -> bool:
    print_header("📋 Writing Expected Exit Codes")
    text = json.dumps(expected_exit_codes(), indent=2) + "\n"
    (target / "expected.json").write_text(text, encoding="utf-8")
    print_success("expected.json")
    return True


def main():
    """Main initialization function"""
    print_header(f"🚀 {settings.APP_NAME} {settings.APP_VERSION} Fixture Initialization")
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(settings.FIXTURE_PATH)
    target.mkdir(parents=True, exist_ok=True)
    print_info(f"Fixture directory: {target}")

    if not write_catalog(target):
        return False
    if not write_raw(target):
        return False
    if not write_expected(target):
        return False

    print_header("🎉 Fixtures Ready!")
    print_info("Check them with: python plrk.py verify fixtures/data/d2.json")
    return True


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
