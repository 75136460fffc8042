"""
Certificate system for pfrees.
Handles saving and loading JSON certificates for replay.
"""
import os
from datetime import datetime
from typing import Any, Dict, List

from .data_manager import DataManager
from .error_handler import ParseError

SCHEMA_VERSION = 1


class CertificateManager:
    def __init__(self, certificate_dir: str = "certificates"):
        self.certificate_dir = certificate_dir
        self.data_manager = DataManager(certificate_dir)
        os.makedirs(self.certificate_dir, exist_ok=True)

    def save(self, claim_id: str, kind: str, payload: Dict[str, Any]) -> str:
        """Write a certificate and return its path."""
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        data = {
            "schema": SCHEMA_VERSION,
            "timestamp": timestamp,
            "claim": claim_id,
            "kind": kind,
            "payload": payload,
        }
        return self.data_manager.save_json(f"cert_{claim_id}_{timestamp}.json", data)

    def load(self, filepath: str) -> Dict[str, Any]:
        """Load a certificate written by ``save``."""
        data = DataManager(os.path.dirname(os.path.abspath(filepath))).load_json(os.path.basename(filepath))
        if data.get("schema") != SCHEMA_VERSION or "kind" not in data or "payload" not in data:
            raise ParseError(f"{filepath}: not a pfrees certificate")
        return data

    def get_certificate_files(self) -> List[Dict[str, Any]]:
        """List stored certificates, oldest first."""
        certificates = []
        for filename in sorted(os.listdir(self.certificate_dir)):
            if filename.startswith("cert_") and filename.endswith(".json"):
                data = self.load(os.path.join(self.certificate_dir, filename))
                certificates.append({
                    "filename": filename,
                    "claim": data["claim"],
                    "kind": data["kind"],
                    "timestamp": data["timestamp"],
                })
        return certificates
