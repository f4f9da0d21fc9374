"""``python -m moealab.server``: serve the API (and the UI, if built)."""
import argparse

import uvicorn

from .app import DEFAULT_PORT, create_app


def main() -> None:
    parser = argparse.ArgumentParser(prog="moealab.server")
    parser.add_argument("--port", type=int, default=DEFAULT_PORT)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--folder", default="results", help="results folder")
    parser.add_argument("--ui", default="frontend/dist", help="static UI directory")
    args = parser.parse_args()
    app = create_app(results_folder=args.folder, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
