#!/usr/bin/env python3
"""Startup script per l'API HTTP di Star CLT Moments."""

import os
import sys
import logging
from pathlib import Path

SRC_PATH = Path(__file__).parent / "src"
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

from moments.config import AppConfig, get_version, load_config, setup_logging  # noqa: E402
from moments.errors import ConfigError  # noqa: E402

logger = logging.getLogger(__name__)


def main():
    """Main startup function."""
    try:
        config = load_config()
    except ConfigError as e:
        logging.basicConfig(level=logging.ERROR)
        logger.error(f"❌ Invalid configuration: {e}")
        sys.exit(2)

    setup_logging(config.log_level)
    logger.info("=" * 60)
    logger.info(f"🚀 Star CLT Moments v{get_version()} Starting")
    logger.info("=" * 60)

    log_environment_info(config)
    check_python_environment()
    start_application(config)


def log_environment_info(config: AppConfig):
    """Log environment information."""
    logger.info("🔍 Environment Information:")
    logger.info(f"  Python version: {sys.version}")
    logger.info(f"  Current directory: {os.getcwd()}")
    logger.info(f"  Options file: {os.getenv('MOMENTS_OPTIONS_FILE', 'none')}")

    logger.info("📝 Configuration:")
    for key, value in config.to_dict().items():
        logger.info(f"  {key}: {value}")
    profile = config.profile
    logger.info(f"  verification depth: route agreement k<={profile.route_agreement_k}, "
                f"orbit correspondence k<={profile.orbit_k}, CCR words<={profile.ccr_length}")


def check_python_environment():
    """Check Python environment and dependencies."""
    logger.info("🐍 Checking Python environment:")
    for dep in ("fastapi", "uvicorn", "pydantic", "click", "rich", "regex", "yaml"):
        try:
            module = __import__(dep)
            version = getattr(module, "__version__", "unknown")
            logger.info(f"  ✅ {dep}: {version}")
        except ImportError as e:
            logger.error(f"  ❌ {dep}: {e}")


def start_application(config: AppConfig):
    """Start the HTTP API."""
    import uvicorn

    from api.app import app

    logger.info(f"🌐 Starting web server on {config.host}:{config.port}...")
    uvicorn.run(
        app,
        host=config.host,
        port=config.port,
        log_level="debug" if config.log_level == "trace" else config.log_level,
        access_log=True,
    )


if __name__ == "__main__":
    main()
