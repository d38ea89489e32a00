"""Rate pipeline: prepare -> measure -> fit -> write."""

import operator
from typing import Annotated, Any, List, Literal, Optional, TypedDict

from langgraph.graph import END, StateGraph

from vilenkin.analysis.vgroup import build_group
from vilenkin.errors import VilenkinError
from vilenkin.graphs.verify_graph import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_IO,
    EXIT_PASS,
    route_next_step,
)
from vilenkin.suites.rate_suite import RateFit, RateSuite
from vilenkin.tools.config import RunConfig
from vilenkin.tools.report import status, write_atomic


class RatesState(TypedDict):
    """State of one rate experiment."""

    messages: Annotated[list, operator.add]
    config: RunConfig
    suite: Optional[RateSuite]
    fits: List[RateFit]
    exit_code: int
    error: str
    next_step: Literal["measure", "fit", "write", "end"]


def _fail(code: int, error: Exception) -> dict:
    status(f"❌ {error}")
    return {"exit_code": code, "error": str(error), "next_step": "end"}


def prepare_node(state: RatesState) -> dict:
    config = state["config"]
    try:
        config.validate()
        parsed = config.group_text()
        spec = build_group(parsed.radices, parsed.level)
        suite = RateSuite(
            spec,
            config.alpha,
            weights=config.weights,
            p_values=config.p_values,
            tol=config.tol,
            expect=config.expect,
            workers=config.workers,
        )
    except VilenkinError as e:
        return _fail(EXIT_CONFIG, e)
    return {
        "messages": [f"prepared {spec.label()}"],
        "suite": suite,
        "next_step": "measure",
    }


def measure_node(state: RatesState) -> dict:
    series = state["suite"].measure_all()
    return {"messages": [f"measured {len(series)} series"], "next_step": "fit"}


def fit_node(state: RatesState) -> dict:
    try:
        fits = state["suite"].fit()
    except VilenkinError as e:
        return _fail(EXIT_CONFIG, e)
    passed = all(fit.passed for fit in fits)
    status("✅ Slopes within tolerance" if passed else "❌ Slope outside tolerance")
    return {
        "messages": ["fitted"],
        "fits": fits,
        "exit_code": EXIT_PASS if passed else EXIT_FAIL,
        "next_step": "write",
    }


def write_node(state: RatesState) -> dict:
    """Series CSV to the output path, fit summaries on stdout."""
    output = state["config"].output
    if output is not None:
        try:
            write_atomic(output, state["suite"].render_series())
        except OSError as e:
            return _fail(EXIT_IO, e)
    for fit in state["fits"]:
        print(fit.summary())
    return {"messages": ["written"], "next_step": "end"}


def create_rates_graph() -> Any:
    """Create the rate experiment workflow graph."""
    workflow = StateGraph(RatesState)

    workflow.add_node("prepare", prepare_node)
    workflow.add_node("measure", measure_node)
    workflow.add_node("fit", fit_node)
    workflow.add_node("write", write_node)

    workflow.set_entry_point("prepare")

    workflow.add_conditional_edges(
        "prepare", route_next_step, {"measure": "measure", "end": END}
    )
    workflow.add_edge("measure", "fit")
    workflow.add_conditional_edges(
        "fit", route_next_step, {"write": "write", "end": END}
    )
    workflow.add_conditional_edges("write", route_next_step, {"end": END})

    return workflow.compile()


def run_rates(config: RunConfig) -> int:
    """Run the pipeline and return its exit code."""
    result = create_rates_graph().invoke(
        {
            "messages": [],
            "config": config,
            "suite": None,
            "fits": [],
            "exit_code": EXIT_PASS,
            "error": "",
            "next_step": "measure",
        }
    )
    return result["exit_code"]
