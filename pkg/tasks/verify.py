from invoke import task


@task(default=True)
def quick(ctx):
    """Runs the quick acceptance suite (t <= 10, k <= 8) and prints the JSON report."""
    ctx.run("magsteklov verify --quick --format json -v", pty=True)


@task
def full(ctx):
    """Runs the full acceptance suite, including the t = 400 checks."""
    ctx.run("magsteklov verify --format json -v", pty=True)
