from .json_extract import extract_json_object

try:
    from .chat_client import ChatClient
    __all__ = ['ChatClient', 'extract_json_object']
except ImportError:
    __all__ = ['extract_json_object']
