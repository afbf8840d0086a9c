"""Local HTTP sentence-embedding service speaking the /v1/embeddings protocol."""

from .app import ServerConfig, create_app
from .models import HashedBagOfWordsModel, ModelLoadError, load_model

__version__ = "0.1.0"
