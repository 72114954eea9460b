import asyncio
import json
import os
import sys
from contextlib import AsyncExitStack

# Add the project root to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "../../.."))

from mcp.server import Server  # noqa: E402
from mcp.server.stdio import stdio_server  # noqa: E402
from mcp.types import TextContent, Tool  # noqa: E402

from servers.minfact_server.src.tools import (  # noqa: E402
    enumerate_objects,
    levy_path,
    offspring_params,
    partial_partition,
    render_lamination,
    sample_factorization,
    sample_tree,
    stats_summary,
    verify_suite,
)
from servers.minfact_server.src.services.verification import suite_names  # noqa: E402
from shared.config import get_settings  # noqa: E402
from shared.utils import setup_logger  # noqa: E402

logger = setup_logger("minfact-server", level=os.getenv("LOG_LEVEL", "INFO"))

server = Server("minfact-server")

HANDLERS = {
    "sample_factorization": sample_factorization,
    "sample_tree": sample_tree,
    "partial_partition": partial_partition,
    "offspring_params": offspring_params,
    "levy_path": levy_path,
    "verify_suite": verify_suite,
    "stats_summary": stats_summary,
    "enumerate_objects": enumerate_objects,
    "render_lamination": render_lamination,
}

_N = {"type": "integer", "minimum": 1, "description": "Size n of the cycle (1, ..., n)"}
_SEED = {"type": "integer", "description": "Seed of the random stream"}
_K = {"type": "integer", "minimum": 1, "description": "Number of leading factors K"}
_C = {"type": "number", "exclusiveMinimum": 0, "description": "Use K = floor(c * sqrt(n))"}


@server.list_tools()
async def handle_list_tools() -> list[Tool]:
    """List available tools."""
    return [
        Tool(
            name="sample_factorization",
            description="Sample a uniform minimal factorization of the n-cycle, optionally with "
            "the partition of the product of its first K factors",
            inputSchema={
                "type": "object",
                "properties": {"n": _N, "seed": _SEED, "K": _K, "c": _C},
                "required": ["n", "seed"],
            },
        ),
        Tool(
            name="sample_tree",
            description="Sample the two-type Galton-Watson tree conditioned on n-K black and "
            "K+1 white vertices",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": _N,
                    "seed": _SEED,
                    "K": _K,
                    "c": _C,
                    "root_shifted": {
                        "type": "boolean",
                        "description": "Root law shifted by one (trees coding partial products)",
                    },
                },
                "required": ["n", "seed"],
            },
        ),
        Tool(
            name="partial_partition",
            description="Sample the non-crossing partition of t_1 ... t_K with its Kreweras "
            "complement and lamination",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": _N,
                    "seed": _SEED,
                    "K": _K,
                    "c": _C,
                    "route": {"type": "string", "enum": ["factorization", "tree"]},
                    "with_tree": {"type": "boolean", "description": "Include the dual tree"},
                },
                "required": ["n", "seed"],
            },
        ),
        Tool(
            name="offspring_params",
            description="Solve the offspring laws for a conditioning (n, K) or for one mean",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": _N,
                    "K": _K,
                    "c": _C,
                    "mean": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        ),
        Tool(
            name="levy_path",
            description="Sample the Levy process, its bridge or excursion, or a Brownian excursion",
            inputSchema={
                "type": "object",
                "properties": {
                    "kind": {"type": "string", "enum": ["process", "bridge", "excursion", "brownian"]},
                    "seed": _SEED,
                    "c": _C,
                    "points": {"type": "integer", "minimum": 2},
                    "mode": {"type": "string", "enum": ["discrete", "rejection"]},
                    "n": _N,
                    "root_shifted": {"type": "boolean"},
                    "with_lamination": {"type": "boolean"},
                },
                "required": ["kind", "seed"],
            },
        ),
        Tool(
            name="verify_suite",
            description="Run a verification suite and return its pass/fail report",
            inputSchema={
                "type": "object",
                "properties": {
                    "suite": {"type": "string", "enum": suite_names()},
                    "options": {"type": "object", "description": "Keyword overrides for the suite"},
                },
                "required": ["suite"],
            },
        ),
        Tool(
            name="stats_summary",
            description="Monte-Carlo summaries: longest chords, Hausdorff distances and the "
            "first-gap histogram against the Borel law",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": _N,
                    "seed": _SEED,
                    "samples": {"type": "integer", "minimum": 1},
                    "K": _K,
                    "c": _C,
                    "threads": {"type": "integer", "minimum": 1},
                },
                "required": ["n", "seed"],
            },
        ),
        Tool(
            name="enumerate_objects",
            description="Count or list minimal factorizations, non-crossing partitions or "
            "alternating trees",
            inputSchema={
                "type": "object",
                "properties": {
                    "kind": {"type": "string", "enum": ["factorizations", "ncp", "trees"]},
                    "n": _N,
                    "n_black_max": {"type": "integer", "minimum": 0},
                    "n_white_max": {"type": "integer", "minimum": 0},
                    "root_color": {"type": "string", "enum": ["black", "white"]},
                    "dump": {"type": "boolean"},
                },
                "required": ["kind"],
            },
        ),
        Tool(
            name="render_lamination",
            description="Write the chord diagram of the first K factors (or of a sweep of c "
            "values) as SVG",
            inputSchema={
                "type": "object",
                "properties": {
                    "output": {"type": "string", "description": "SVG file, or directory for frames"},
                    "n": _N,
                    "seed": _SEED,
                    "K": {"type": "integer", "minimum": 0},
                    "c": _C,
                    "panels": {"type": "string", "enum": ["forest", "partition", "both"]},
                    "factorization": {"type": "object"},
                    "lamination": {"type": "object"},
                    "frames": {
                        "type": "object",
                        "properties": {
                            "c_min": {"type": "number"},
                            "c_max": {"type": "number"},
                            "count": {"type": "integer"},
                        },
                    },
                },
                "required": ["output"],
            },
        ),
    ]


@server.call_tool()
async def handle_call_tool(name: str, arguments: dict) -> list[TextContent]:
    """Handle tool calls."""
    try:
        logger.info("Calling tool", tool=name, arguments=arguments)
        if name not in HANDLERS:
            raise ValueError(f"Unknown tool: {name}")
        result = await HANDLERS[name](**arguments)
        if "error" in result:
            logger.error("Tool returned an error", tool=name, error=result["error"])
        else:
            logger.info("Tool completed successfully", tool=name)
        return [TextContent(type="text", text=json.dumps(result, sort_keys=True, default=str))]

    except Exception as e:
        logger.error("Error in tool", tool=name, error=str(e))
        return [TextContent(type="text", text=json.dumps({"error": str(e)}))]


async def main() -> None:
    """Run the server."""
    settings = get_settings()
    logger.info("Starting minfact server", threads=settings.threads, output_dir=str(settings.output_dir))

    async with AsyncExitStack() as stack:
        streams = await stack.enter_async_context(stdio_server())
        await server.run(streams[0], streams[1], server.create_initialization_options())


def run() -> None:
    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
    except Exception as e:
        logger.error("Server failed", error=str(e))
        sys.exit(1)


if __name__ == "__main__":
    run()
