import os

from invoke import task

from tasks.config import FIGURES_PATH


@task
def figures(ctx, k_max=5):
    """Renders the disk and 4-ball spectrum-versus-t figures into figures/."""
    os.makedirs(FIGURES_PATH, exist_ok=True)
    ctx.run(f"magsteklov figures --k-max {k_max} --output {FIGURES_PATH}")
