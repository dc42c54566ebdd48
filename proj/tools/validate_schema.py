"""Validate a scene or certificate JSON file against the schemas in docs/."""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    docs = pathlib.Path(sys.argv[1])
    schema_name, document = sys.argv[2], sys.argv[3]
    registry = Registry()
    for path in docs.glob("*.schema.json"):
        registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))
    schema = json.loads((docs / schema_name).read_text())
    validator = jsonschema.Draft202012Validator(schema, registry=registry)
    errors = list(validator.iter_errors(json.loads(pathlib.Path(document).read_text())))
    for e in errors:
        print(f"{document}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
