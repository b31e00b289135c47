# main.py
import os
from typing import Any, Dict, Optional

import typer
from rich.console import Console
from rich.table import Table
from rich.text import Text

from src.core.exceptions import SmallCoverError
from src.core.orchestrator import ComputationOrchestrator
from src.data_management.json_manager import JSONManager
from src.utils.config import RunConfig

app = typer.Typer(
    help="Números de Betti mod 2 de small covers y de sus cubiertas dobles",
    add_completion=False,
)

CONFIG_ENV = "SMALLCOVER_CONFIG"


def _render(result: Dict[str, Any], output_format: str) -> None:
    if output_format == "json":
        typer.echo(JSONManager().dumps(result))
        return
    console = Console()
    for spec in result.get("tables", []):
        title = spec["title"] + (f" ({spec['verdict']})" if "verdict" in spec else "")
        table = Table(title=Text(title))
        for column in spec["columns"]:
            table.add_column(Text(str(column)))
        for row in spec["rows"]:
            table.add_row(*(Text(str(x)) for x in row))
        console.print(table)
    for note in result.get("notes", []):
        console.print(note, markup=False, highlight=False)
    if result.get("error"):
        Console(stderr=True).print(f"error: {result['error']}", markup=False, highlight=False)


def _execute(subcommand: str, **options: Any) -> None:
    """Construye la petición, la ejecuta y traduce el resultado a código de salida"""
    try:
        config = RunConfig(subcommand=subcommand, **options)
        orchestrator = ComputationOrchestrator(os.getenv(CONFIG_ENV))
    except SmallCoverError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=2)
    result = orchestrator.run(config)
    _render(result, config.output_format)
    if result.get("invalid_request"):
        raise typer.Exit(code=2)
    raise typer.Exit(code=0 if result["ok"] else 1)


BUILDER = typer.Option(None, "--builder", help="segment, square, triangle, pentagon, polygon, simplex, cube, permutohedron, permutohedron3")
DIM = typer.Option(None, "--dim", help="Dimensión para simplex, cube y permutohedron")
GONS = typer.Option(None, "--gons", help="Número de lados para polygon")
INPUT = typer.Option(None, "--input", help="Polítopo en JSON")
LAMBDA = typer.Option(None, "--lambda", help="Mapa característico: JSON, preset o filas '10,01,...'")
CLASS = typer.Option(None, "--class", help="Clase de grado 1: JSON, vector 0/1 o facetas 'L,B'")
FORMAT = typer.Option("table", "--format", help="table o json")
CAP = typer.Option(None, "--cap", help="Máximo de celdas del oráculo")


@app.command()
def hvector(
    builder: Optional[str] = BUILDER,
    dim: Optional[int] = DIM,
    gons: Optional[int] = GONS,
    input_path: Optional[str] = INPUT,
    output_format: str = FORMAT,
):
    """f-vector y h-vector de un polítopo simple"""
    _execute("hvector", builder=builder, dim=dim, gons=gons, input_path=input_path,
             output_format=output_format)


@app.command()
def betti(
    builder: Optional[str] = BUILDER,
    dim: Optional[int] = DIM,
    gons: Optional[int] = GONS,
    input_path: Optional[str] = INPUT,
    lambda_spec: Optional[str] = LAMBDA,
    method: str = typer.Option("both", "--method", help="ring, oracle o both"),
    output_format: str = FORMAT,
    cap: Optional[int] = CAP,
):
    """Betti del small cover: anillo de caras frente al oráculo celular"""
    _execute("betti", builder=builder, dim=dim, gons=gons, input_path=input_path,
             lambda_spec=lambda_spec, method=method, output_format=output_format, cap=cap)


@app.command()
def doublecover(
    builder: Optional[str] = BUILDER,
    dim: Optional[int] = DIM,
    gons: Optional[int] = GONS,
    input_path: Optional[str] = INPUT,
    lambda_spec: Optional[str] = LAMBDA,
    class_spec: Optional[str] = CLASS,
    method: str = typer.Option("both", "--method", help="gysin, oracle o both"),
    output_format: str = FORMAT,
    cap: Optional[int] = CAP,
):
    """Betti de la cubierta doble M_w: sucesión de Gysin frente al oráculo"""
    _execute("doublecover", builder=builder, dim=dim, gons=gons, input_path=input_path,
             lambda_spec=lambda_spec, class_spec=class_spec, method=method,
             output_format=output_format, cap=cap)


@app.command()
def section(
    builder: Optional[str] = BUILDER,
    dim: Optional[int] = DIM,
    gons: Optional[int] = GONS,
    input_path: Optional[str] = INPUT,
    lambda_spec: Optional[str] = LAMBDA,
    facet: Optional[str] = typer.Option(None, "--facet", help="Nombre o índice de faceta"),
    hyperplane: Optional[str] = typer.Option(None, "--hyperplane", help="'l_1,...,l_n,c'"),
    output_format: str = FORMAT,
    cap: Optional[int] = CAP,
):
    """Clase de sección: fórmula con h-vectores, Gysin y oráculo"""
    _execute("section", builder=builder, dim=dim, gons=gons, input_path=input_path,
             lambda_spec=lambda_spec, facet=facet, hyperplane=hyperplane,
             output_format=output_format, cap=cap)


@app.command()
def verify(
    builder: Optional[str] = BUILDER,
    dim: Optional[int] = DIM,
    gons: Optional[int] = GONS,
    input_path: Optional[str] = INPUT,
    lambda_spec: Optional[str] = LAMBDA,
    output_format: str = FORMAT,
    cap: Optional[int] = CAP,
):
    """Validación completa: tres vías, barrido de clases, Morse y propiedades"""
    _execute("verify", builder=builder, dim=dim, gons=gons, input_path=input_path,
             lambda_spec=lambda_spec, output_format=output_format, cap=cap)


@app.command()
def demo(
    name: str = typer.Argument(..., help="pentagon-gap, permutohedron-example o prism-proposition"),
    builder: Optional[str] = BUILDER,
    dim: Optional[int] = DIM,
    gons: Optional[int] = GONS,
    lambda_spec: Optional[str] = LAMBDA,
    class_spec: Optional[str] = CLASS,
    output_format: str = FORMAT,
    cap: Optional[int] = CAP,
):
    """Reproducciones guionizadas con polítopos predefinidos"""
    _execute("demo", demo=name, builder=builder, dim=dim, gons=gons, lambda_spec=lambda_spec,
             class_spec=class_spec, output_format=output_format, cap=cap)


if __name__ == "__main__":
    app()
