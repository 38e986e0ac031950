import logging
import os
from typing import Dict, List, Optional

from src.errors import LLMError

logger = logging.getLogger(__name__)


class ChatClient:
    """OpenAI-compatible chat-completion client used by remote policies and judges"""

    def __init__(
        self,
        model: Optional[str] = None,
        base_url: Optional[str] = None,
        api_key_env: str = "TL_POLICY_KEY",
        model_env: str = "TL_POLICY_MODEL",
        base_url_env: str = "TL_POLICY_BASE_URL",
        temperature: float = 0.7,
        max_tokens: int = 800,
        max_retries: int = 3,
        timeout: float = 120.0,
    ):
        self.api_key_env = api_key_env
        self.model = model or os.getenv(model_env, "gpt-4o-mini")
        self.base_url = base_url or os.getenv(base_url_env)
        self.temperature = temperature
        self.max_tokens = max_tokens
        self.max_retries = max_retries
        self.timeout = timeout
        self._init_client()

    def _init_client(self):
        """Initialize the OpenAI client against the configured endpoint"""
        try:
            import openai
        except ImportError:
            raise LLMError("OpenAI package not installed. Please install it with: pip install openai")

        api_key = os.getenv(self.api_key_env)
        if not api_key:
            raise LLMError(f"{self.api_key_env} environment variable is required")

        kwargs = {"api_key": api_key, "max_retries": self.max_retries, "timeout": self.timeout}
        if self.base_url:
            kwargs["base_url"] = self.base_url
        self.client = openai.OpenAI(**kwargs)

    @staticmethod
    def build_messages(system: str, user: str) -> List[Dict[str, str]]:
        return [
            {"role": "system", "content": system},
            {"role": "user", "content": user},
        ]

    def submit_prompt(self, system: str, user: str, **kwargs) -> str:
        """Submit a system/user prompt pair and return the reply text"""
        try:
            response = self.client.chat.completions.create(
                model=kwargs.get("model", self.model),
                messages=self.build_messages(system, user),
                max_tokens=kwargs.get("max_tokens", self.max_tokens),
                temperature=kwargs.get("temperature", self.temperature),
            )
            result = response.choices[0].message.content
            return str(result) if result else ""
        except Exception as e:
            raise LLMError(f"Chat completion error ({self.model}): {str(e)}") from e
