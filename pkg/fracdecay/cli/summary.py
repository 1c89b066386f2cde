"""
Run summary validation against the packaged JSON schema.
"""

import json
import logging
import os
from typing import Any, Optional

import jsonschema

from fracdecay.exceptions import SummaryValidationError


class SummaryValidator:
    """
    Validator for run summaries using summary_schema.json.
    """
    def __init__(self, schema_path: Optional[str] = None) -> None:
        if schema_path is None:
            schema_path = os.path.join(os.path.dirname(__file__), 'summary_schema.json')
        with open(schema_path, 'r', encoding='utf-8') as f:
            self.schema: dict[str, Any] = json.load(f)
        self.logger = logging.getLogger(self.__class__.__name__)

    def is_valid(self, summary: dict[str, Any]) -> bool:
        try:
            jsonschema.validate(instance=summary, schema=self.schema)
            return True
        except jsonschema.ValidationError as e:
            self.logger.error(f"Summary validation error: {e.message}")
            return False

    def validate(self, summary: dict[str, Any]) -> None:
        """
        Raise SummaryValidationError listing every schema violation.
        """
        validator = jsonschema.Draft7Validator(self.schema)
        errors = sorted(validator.iter_errors(summary), key=lambda e: list(e.path))
        if errors:
            messages = [f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}" for e in errors]
            raise SummaryValidationError(
                f"Run summary violates the schema: {messages[0]}", validation_errors=messages
            )
        self.logger.debug("Summary validation successful.")
