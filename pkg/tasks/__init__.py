from invoke import Collection

from tasks import (
    config,
    figures,
    linting,
    testing,
    verify
)

ns = Collection()

lint = Collection.from_module(linting, name="lint")
test = Collection.from_module(testing, name="test")
verify = Collection.from_module(verify, name="verify")

# Subtasks
ns.add_collection(lint)
ns.add_collection(test)
ns.add_collection(verify)

# Tasks
ns.add_task(config.config)
ns.add_task(figures.figures)
