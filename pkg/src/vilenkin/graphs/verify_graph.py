"""Verification pipeline: prepare -> evaluate -> assemble -> write."""

import operator
import sys
from typing import Annotated, Any, Literal, Optional, TypedDict

from langgraph.graph import END, StateGraph

from vilenkin.analysis.vgroup import GroupSpec, build_group
from vilenkin.errors import VilenkinError
from vilenkin.suites.kernel_suite import KernelSuite
from vilenkin.suites.theorem_suite import TheoremSuite, probe_report
from vilenkin.tools.config import RunConfig
from vilenkin.tools.report import render, status, write_atomic

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_IO = 3


class VerifyState(TypedDict):
    """State of one verification run."""

    messages: Annotated[list, operator.add]
    config: RunConfig
    spec: Optional[GroupSpec]
    report: Any
    rendered: str
    exit_code: int
    error: str
    next_step: Literal["evaluate", "assemble", "write", "end"]


def _fail(code: int, error: Exception) -> dict:
    status(f"❌ {error}")
    return {
        "messages": [f"error: {error}"],
        "exit_code": code,
        "error": str(error),
        "next_step": "end",
    }


def prepare_node(state: VerifyState) -> dict:
    """Validate the configuration and build the group."""
    config = state["config"]
    try:
        config.validate()
        parsed = config.group_text()
        spec = build_group(parsed.radices, parsed.level)
    except VilenkinError as e:
        return _fail(EXIT_CONFIG, e)
    return {
        "messages": [f"prepared {spec.label()}"],
        "spec": spec,
        "next_step": "evaluate",
    }


def evaluate_node(state: VerifyState) -> dict:
    """Run the suite named by the command."""
    config = state["config"]
    spec = state["spec"]
    try:
        if config.command == "kernels":
            report = KernelSuite(spec, workers=config.workers).run()
        elif config.command == "probe":
            report = probe_report(spec, config.p_values)
        else:
            theorem = "norlund" if config.command == "norlund" else config.theorem
            suite = TheoremSuite(
                spec,
                theorem,
                weights=config.weights,
                p_values=config.p_values,
                functions=config.functions,
                workers=config.workers,
            )
            report = suite.run()
    except VilenkinError as e:
        return _fail(EXIT_CONFIG, e)
    return {
        "messages": [f"evaluated {len(report.rows)} rows"],
        "report": report,
        "next_step": "assemble",
    }


def assemble_node(state: VerifyState) -> dict:
    """Render the report and decide the exit code."""
    config = state["config"]
    report = state["report"]
    if hasattr(report, "render"):
        rendered = report.render(config.fmt)
    else:
        rendered = render(report, config.fmt)
    failed = getattr(report, "asserted", True) and not report.all_pass
    if failed:
        status("❌ Verification failed")
    else:
        status("✅ Verification passed")
    return {
        "messages": ["assembled report"],
        "rendered": rendered,
        "exit_code": EXIT_FAIL if failed else EXIT_PASS,
        "next_step": "write",
    }


def write_node(state: VerifyState) -> dict:
    """Write the report atomically, or to stdout without an output path."""
    output = state["config"].output
    if output is None:
        sys.stdout.write(state["rendered"])
        return {"messages": ["report on stdout"], "next_step": "end"}
    try:
        write_atomic(output, state["rendered"])
    except OSError as e:
        return _fail(EXIT_IO, e)
    return {"messages": [f"report at {output}"], "next_step": "end"}


def route_next_step(state: VerifyState) -> str:
    """Route to the next step based on current state."""
    return state["next_step"]


def create_verify_graph() -> Any:
    """Create the verification workflow graph."""
    workflow = StateGraph(VerifyState)

    workflow.add_node("prepare", prepare_node)
    workflow.add_node("evaluate", evaluate_node)
    workflow.add_node("assemble", assemble_node)
    workflow.add_node("write", write_node)

    workflow.set_entry_point("prepare")

    workflow.add_conditional_edges(
        "prepare", route_next_step, {"evaluate": "evaluate", "end": END}
    )
    workflow.add_conditional_edges(
        "evaluate", route_next_step, {"assemble": "assemble", "end": END}
    )
    workflow.add_conditional_edges(
        "assemble", route_next_step, {"write": "write", "end": END}
    )
    workflow.add_conditional_edges("write", route_next_step, {"end": END})

    return workflow.compile()


def initial_state(config: RunConfig) -> VerifyState:
    return {
        "messages": [],
        "config": config,
        "spec": None,
        "report": None,
        "rendered": "",
        "exit_code": EXIT_PASS,
        "error": "",
        "next_step": "evaluate",
    }


def run_verify(config: RunConfig) -> int:
    """Run the pipeline and return its exit code."""
    result = create_verify_graph().invoke(initial_state(config))
    return result["exit_code"]
